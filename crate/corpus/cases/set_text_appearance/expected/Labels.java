import android.content.Context;
import android.widget.TextView;
import android.os.Build;

class Labels {
    private final Context context;

    Labels(Context context) {
        this.context = context;
    }

    TextView make(int style) {
        TextView tv = new TextView(context);
        if (Build.VERSION.SDK_INT >= Build.VERSION_CODES.M) {
            tv.setTextAppearance(style);
        } else {
            tv.setTextAppearance(context, style);
        }
        return tv;
    }
}
