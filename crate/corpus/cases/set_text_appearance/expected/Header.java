import android.content.Context;
import android.widget.TextView;
import android.os.Build;

public class Header {
    void apply(Context ctx, TextView label, int style) {
        if (Build.VERSION.SDK_INT >= Build.VERSION_CODES.M) {
            label.setTextAppearance(style);
        } else {
            label.setTextAppearance(ctx, style);
        }
    }
}
