import android.content.Context;
import android.os.Build;
import android.widget.TextView;

class Themed {
    void apply(Context c, TextView t, int s) {
        if (Build.VERSION.SDK_INT >= 23) {
            t.setTextAppearance(s);
        } else {
            t.setTextAppearance(c, s);
        }
    }

    void dense(Context c, TextView t) {
        if (Build.VERSION.SDK_INT >= Build.VERSION_CODES.M) {
            t.setTextAppearance(pick(true));
        } else {
            t.setTextAppearance(c, pick(true));
        }
    }

    int pick(boolean small) {
        return small ? R.style.Small : R.style.Large;
    }
}
