package com.example.alarm;

import android.widget.TimePicker;

public class AlarmEditor {
    private TimePicker timePicker;

    public int hour() {
        if (timePicker == null) {
            return 0;
        }
        return timePicker.getCurrentHour();
    }

    public int nextHour() {
        return timePicker.getCurrentHour() + 1;
    }
}
