import android.content.Context;
import android.widget.TextView;

public class Header {
    void apply(Context ctx, TextView label, int style) {
        label.setTextAppearance(ctx, style);
    }
}
