import android.text.Html;
import android.text.Spanned;
import android.os.Build;

class Plain {
    Spanned parse(String s) {
        Spanned out = Html.fromHtml(s);
        return out;
    }

    void show(android.widget.TextView tv, String s) {
        if (Build.VERSION.SDK_INT >= Build.VERSION_CODES.N) {
            tv.setText(Html.fromHtml(s, Html.FROM_HTML_MODE_LEGACY));
        } else {
            tv.setText(Html.fromHtml(s));
        }
    }
}
