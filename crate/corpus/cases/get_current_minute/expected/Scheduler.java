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
        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.M) {
            lastMinutes = b.getMinute();
        } else {
            lastMinutes = b.getCurrentMinute();
        }
        if (lastMinutes > 30)
            if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.M) {
                minutes = b.getMinute();
            } else {
                minutes = b.getCurrentMinute();
            }
    }
}
