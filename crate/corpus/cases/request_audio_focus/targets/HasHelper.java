import android.media.AudioAttributes;
import android.media.AudioManager;

public class HasHelper {
    private AudioManager manager;
    private AudioManager.OnAudioFocusChangeListener l;

    private static AudioAttributes attributes(int usage) {
        return new AudioAttributes.Builder().setUsage(usage).build();
    }

    int focus() {
        return manager.requestAudioFocus(l, AudioManager.STREAM_MUSIC, AudioManager.AUDIOFOCUS_GAIN);
    }
}
