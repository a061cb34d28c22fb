import android.content.Context;
import android.os.Build;
import android.widget.TextView;

class Styler {
    static void style(Context context, TextView tv, int resId) {
        if (Build.VERSION.SDK_INT >= Build.VERSION_CODES.M) {
            tv.setTextAppearance(resId);
        } else {
            tv.setTextAppearance(context, resId);
        }
    }
}
