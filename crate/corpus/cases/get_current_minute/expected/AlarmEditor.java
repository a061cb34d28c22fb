package com.example.alarm;

import android.widget.TimePicker;

public class AlarmEditor {
    private TimePicker timePicker;
    private int hour;
    private int minute;

    public void save() {
        hour = timePicker.getCurrentHour();
        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.M) {
            minute = timePicker.getMinute();
        } else {
            minute = timePicker.getCurrentMinute();
        }
        persist(hour, minute);
    }

    public void restore(TimePicker other) {
        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.M) {
            this.minute = other.getMinute();
        } else {
            this.minute = other.getCurrentMinute();
        }
    }

    private void persist(int h, int m) {
    }
}
