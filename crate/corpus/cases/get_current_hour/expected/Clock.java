import android.widget.TimePicker;
import android.os.Build;

public class Clock {
    static int hourOf(TimePicker tp) {
        if (Build.VERSION.SDK_INT < Build.VERSION_CODES.M) {
            return tp.getCurrentHour();
        } else {
            return tp.getHour();
        }
    }
}
