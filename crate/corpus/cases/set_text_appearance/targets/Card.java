import android.app.Activity;
import android.widget.TextView;

public class Card extends Activity {
    private TextView title;
    private TextView subtitle;

    void styleAll() {
        title.setTextAppearance(this, R.style.CardTitle);
        subtitle.setTextAppearance(this, R.style.CardSubtitle);
    }
}
