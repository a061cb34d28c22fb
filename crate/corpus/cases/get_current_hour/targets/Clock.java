import android.widget.TimePicker;

public class Clock {
    static int hourOf(TimePicker tp) {
        return tp.getCurrentHour();
    }
}
