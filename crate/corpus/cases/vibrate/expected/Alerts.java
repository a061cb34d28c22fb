package com.example.alerts;

import android.os.Vibrator;
import android.os.VibrationEffect;

class Alerts {
    private static final long SHORT = 80;
    private static final long LONG = 400;

    void notifyShort(Vibrator v) {
        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.O) {
            v.vibrate(VibrationEffect.createOneShot(50, 175));
        } else {
            v.vibrate(SHORT);
        }
    }

    void notifyLong(Vibrator v) {
        log("long");
        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.O) {
            v.vibrate(VibrationEffect.createOneShot(50, 175));
        } else {
            v.vibrate(LONG);
        }
    }

    void notifyBoth(Vibrator v, boolean twice) {
        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.O) {
            v.vibrate(VibrationEffect.createOneShot(50, 175));
        } else {
            v.vibrate(SHORT);
        }
        if (twice) {
            if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.O) {
                v.vibrate(VibrationEffect.createOneShot(50, 175));
            } else {
                v.vibrate(SHORT);
            }
        }
    }

    private void log(String s) {
        System.out.println(s);
    }
}
