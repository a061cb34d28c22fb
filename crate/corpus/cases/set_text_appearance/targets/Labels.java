import android.content.Context;
import android.widget.TextView;

class Labels {
    private final Context context;

    Labels(Context context) {
        this.context = context;
    }

    TextView make(int style) {
        TextView tv = new TextView(context);
        tv.setTextAppearance(context, style);
        return tv;
    }
}
