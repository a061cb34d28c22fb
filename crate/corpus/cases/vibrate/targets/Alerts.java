package com.example.alerts;

import android.os.Vibrator;

class Alerts {
    private static final long SHORT = 80;
    private static final long LONG = 400;

    void notifyShort(Vibrator v) {
        v.vibrate(SHORT);
    }

    void notifyLong(Vibrator v) {
        log("long");
        v.vibrate(LONG);
    }

    void notifyBoth(Vibrator v, boolean twice) {
        v.vibrate(SHORT);
        if (twice) {
            v.vibrate(SHORT);
        }
    }

    private void log(String s) {
        System.out.println(s);
    }
}
