import android.os.Build.VERSION_CODES;
import android.widget.TimePicker;

class Dual {
    int start(TimePicker from) {
        return from.getCurrentHour();
    }

    int end(TimePicker to) {
        return to.getCurrentHour();
    }
}
