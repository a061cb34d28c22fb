import android.os.Build;
import android.os.VibrationEffect;
import android.os.Vibrator;

public class Guarded {
    void tick(Vibrator vibrator, long ms) {
        if (Build.VERSION.SDK_INT >= Build.VERSION_CODES.O) {
            vibrator.vibrate(VibrationEffect.createOneShot(ms, 10));
        } else {
            vibrator.vibrate(ms);
        }
    }

    void tock(Vibrator vibrator, long ms) {
        vibrator.vibrate(ms);
    }
}
