import android.os.Build.VERSION_CODES;
import android.widget.TimePicker;
import android.os.Build;

class Dual {
    int start(TimePicker from) {
        if (Build.VERSION.SDK_INT < Build.VERSION_CODES.M) {
            return from.getCurrentHour();
        } else {
            return from.getHour();
        }
    }

    int end(TimePicker to) {
        if (Build.VERSION.SDK_INT < Build.VERSION_CODES.M) {
            return to.getCurrentHour();
        } else {
            return to.getHour();
        }
    }
}
