import android.app.Activity;
import android.widget.TextView;
import android.os.Build;

public class Card extends Activity {
    private TextView title;
    private TextView subtitle;

    void styleAll() {
        if (Build.VERSION.SDK_INT >= Build.VERSION_CODES.M) {
            title.setTextAppearance(R.style.CardTitle);
        } else {
            title.setTextAppearance(this, R.style.CardTitle);
        }
        if (Build.VERSION.SDK_INT >= Build.VERSION_CODES.M) {
            subtitle.setTextAppearance(R.style.CardSubtitle);
        } else {
            subtitle.setTextAppearance(this, R.style.CardSubtitle);
        }
    }
}
