import android.app.Activity;
import android.text.Html;
import android.widget.TextView;

public class Resources extends Activity {
    private TextView title;
    private TextView footer;

    void bind() {
        title.setText(Html.fromHtml(getString(R.string.title)));
        footer.setText(Html.fromHtml("<b>" + getString(R.string.footer) + "</b>"));
    }
}
