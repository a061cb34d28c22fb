import android.widget.TimePicker;
import android.os.Build;

class Wrapper {
    private final TimePicker inner;

    Wrapper(TimePicker inner) {
        this.inner = inner;
    }

    Integer boxed() {
        if (Build.VERSION.SDK_INT < Build.VERSION_CODES.M) {
            return inner.getCurrentHour();
        } else {
            return inner.getHour();
        }
    }

    int fallback(TimePicker p) {
        if (p != null) if (Build.VERSION.SDK_INT < Build.VERSION_CODES.M) {
            return p.getCurrentHour();
        } else {
            return p.getHour();
        }
        return -1;
    }
}
