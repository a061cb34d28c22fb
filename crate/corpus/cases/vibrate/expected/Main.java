package com.example.buzz;

import android.content.Context;
import android.os.Vibrator;
import android.os.VibrationEffect;

public class Main {
    private final Vibrator MyVibrator;

    public Main(Context context) {
        MyVibrator = (Vibrator) context.getSystemService(Context.VIBRATOR_SERVICE);
    }

    public void buzz(long milliseconds) {
        if (MyVibrator.hasVibrator()) {
            if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.O) {
                MyVibrator.vibrate(VibrationEffect.createOneShot(50, 175));
            } else {
                MyVibrator.vibrate(milliseconds);
            }
        }
    }
}
