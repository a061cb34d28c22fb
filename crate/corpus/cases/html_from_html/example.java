import android.os.Build;
import android.text.Html;
import android.widget.TextView;

public class Formatter {
    private static final int MODE = Html.FROM_HTML_MODE_LEGACY;

    void show(TextView view, String source) {
        int flags = MODE;
        if (Build.VERSION.SDK_INT >= Build.VERSION_CODES.N) {
            view.setText(Html.fromHtml(source, flags));
        } else {
            view.setText(Html.fromHtml(source));
        }
    }
}
