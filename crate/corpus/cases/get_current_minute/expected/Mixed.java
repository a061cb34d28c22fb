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
        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.M) {
            slots[i] = picker.getMinute();
        } else {
            slots[i] = picker.getCurrentMinute();
        }
        System.out.println(slots[i]);
    }
}
