import android.os.Build;
import android.widget.TimePicker;

public class Scheduler {
    int minutes;
    int lastMinutes;

    void sync(TimePicker a, TimePicker b) {
        if (Build.VERSION.SDK_INT >= 23) {
            minutes = a.getMinute();
        } else {
            minutes = a.getCurrentMinute();
        }
        lastMinutes = b.getCurrentMinute();
        if (lastMinutes > 30)
            minutes = b.getCurrentMinute();
    }
}
