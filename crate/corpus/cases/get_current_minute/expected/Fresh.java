import android.widget.TimePicker;

class Fresh {
    int x;

    void read(TimePicker p) {
        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.M) {
            x = p.getMinute();
        } else {
            x = p.getCurrentMinute();
        }
    }
}
