import android.widget.TimePicker;

class Wrapper {
    private final TimePicker inner;

    Wrapper(TimePicker inner) {
        this.inner = inner;
    }

    Integer boxed() {
        return inner.getCurrentHour();
    }

    int fallback(TimePicker p) {
        if (p != null) return p.getCurrentHour();
        return -1;
    }
}
