package com.example.buzz;

import android.content.Context;
import android.os.Vibrator;

public class Main {
    private final Vibrator MyVibrator;

    public Main(Context context) {
        MyVibrator = (Vibrator) context.getSystemService(Context.VIBRATOR_SERVICE);
    }

    public void buzz(long milliseconds) {
        if (MyVibrator.hasVibrator()) {
            MyVibrator.vibrate(milliseconds);
        }
    }
}
