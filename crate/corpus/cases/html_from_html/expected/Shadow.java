import android.text.Html;
import com.example.compat.Build;

public class Shadow {
    void render(android.widget.TextView label, String markup) {
        if (Build.isDebug()) {
            if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.N) {
                label.setText(Html.fromHtml(markup, Html.FROM_HTML_MODE_LEGACY));
            } else {
                label.setText(Html.fromHtml(markup));
            }
        }
    }
}
