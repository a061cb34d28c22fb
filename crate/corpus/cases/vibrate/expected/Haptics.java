import android.os.Handler;
import android.os.Vibrator;
import android.os.VibrationEffect;

public class Haptics {
    private final Vibrator vib;
    private final Handler handler = new Handler();
    private long base = 20;

    Haptics(Vibrator vib) {
        this.vib = vib;
    }

    void pulse(int strength) {
        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.O) {
            vib.vibrate(VibrationEffect.createOneShot(50, 175));
        } else {
            vib.vibrate(base * strength + 5);
        }
    }

    void later() {
        handler.post(new Runnable() {
            @Override
            public void run() {
                if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.O) {
                    vib.vibrate(VibrationEffect.createOneShot(50, 175));
                } else {
                    vib.vibrate(base);
                }
            }
        });
    }

    void lambda() {
        handler.post(() -> vib.vibrate(base));
    }
}
