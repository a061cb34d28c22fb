import android.widget.TimePicker;

class Fresh {
    int x;

    void read(TimePicker p) {
        x = p.getCurrentMinute();
    }
}
