import android.os.Handler;
import android.os.Vibrator;

public class Haptics {
    private final Vibrator vib;
    private final Handler handler = new Handler();
    private long base = 20;

    Haptics(Vibrator vib) {
        this.vib = vib;
    }

    void pulse(int strength) {
        vib.vibrate(base * strength + 5);
    }

    void later() {
        handler.post(new Runnable() {
            @Override
            public void run() {
                vib.vibrate(base);
            }
        });
    }

    void lambda() {
        handler.post(() -> vib.vibrate(base));
    }
}
