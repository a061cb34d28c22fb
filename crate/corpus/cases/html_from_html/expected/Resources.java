import android.app.Activity;
import android.text.Html;
import android.widget.TextView;
import android.os.Build;

public class Resources extends Activity {
    private TextView title;
    private TextView footer;

    void bind() {
        if (Build.VERSION.SDK_INT >= Build.VERSION_CODES.N) {
            title.setText(Html.fromHtml(getString(R.string.title), Html.FROM_HTML_MODE_LEGACY));
        } else {
            title.setText(Html.fromHtml(getString(R.string.title)));
        }
        if (Build.VERSION.SDK_INT >= Build.VERSION_CODES.N) {
            footer.setText(Html.fromHtml("<b>" + getString(R.string.footer) + "</b>", Html.FROM_HTML_MODE_LEGACY));
        } else {
            footer.setText(Html.fromHtml("<b>" + getString(R.string.footer) + "</b>"));
        }
    }
}
