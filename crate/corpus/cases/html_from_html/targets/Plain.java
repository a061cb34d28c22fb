import android.text.Html;
import android.text.Spanned;

class Plain {
    Spanned parse(String s) {
        Spanned out = Html.fromHtml(s);
        return out;
    }

    void show(android.widget.TextView tv, String s) {
        tv.setText(Html.fromHtml(s));
    }
}
