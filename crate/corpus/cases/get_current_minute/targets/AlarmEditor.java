package com.example.alarm;

import android.widget.TimePicker;

public class AlarmEditor {
    private TimePicker timePicker;
    private int hour;
    private int minute;

    public void save() {
        hour = timePicker.getCurrentHour();
        minute = timePicker.getCurrentMinute();
        persist(hour, minute);
    }

    public void restore(TimePicker other) {
        this.minute = other.getCurrentMinute();
    }

    private void persist(int h, int m) {
    }
}
