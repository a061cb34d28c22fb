package com.example.alarm;

import android.widget.TimePicker;
import android.os.Build;

public class AlarmEditor {
    private TimePicker timePicker;

    public int hour() {
        if (timePicker == null) {
            return 0;
        }
        if (Build.VERSION.SDK_INT < Build.VERSION_CODES.M) {
            return timePicker.getCurrentHour();
        } else {
            return timePicker.getHour();
        }
    }

    public int nextHour() {
        return timePicker.getCurrentHour() + 1;
    }
}
