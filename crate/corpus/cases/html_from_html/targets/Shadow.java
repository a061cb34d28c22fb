import android.text.Html;
import com.example.compat.Build;

public class Shadow {
    void render(android.widget.TextView label, String markup) {
        if (Build.isDebug()) {
            label.setText(Html.fromHtml(markup));
        }
    }
}
