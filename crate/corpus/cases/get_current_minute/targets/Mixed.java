import android.widget.TimePicker;

public class Mixed {
    private final TimePicker picker;

    Mixed(TimePicker picker) {
        this.picker = picker;
    }

    int current() {
        int m = picker.getCurrentMinute();
        return m;
    }

    void track(int[] slots, int i) {
        slots[i] = picker.getCurrentMinute();
        System.out.println(slots[i]);
    }
}
