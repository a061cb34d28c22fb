import android.os.Build;
import android.widget.TimePicker;

public class HourReader {
    public static int readHour(TimePicker picker) {
        if (Build.VERSION.SDK_INT < Build.VERSION_CODES.M) {
            return picker.getCurrentHour();
        } else {
            return picker.getHour();
        }
    }
}
