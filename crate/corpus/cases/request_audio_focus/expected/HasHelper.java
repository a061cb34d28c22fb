import android.media.AudioAttributes;
import android.media.AudioManager;
import android.media.AudioFocusRequest;
import android.os.Build;

public class HasHelper {
    private AudioManager manager;
    private AudioManager.OnAudioFocusChangeListener l;

    private static AudioAttributes attributes(int usage) {
        return new AudioAttributes.Builder().setUsage(usage).build();
    }

    int focus() {
        if (Build.VERSION.SDK_INT >= Build.VERSION_CODES.O) {
            return manager.requestAudioFocus(focusRequest(AudioAttributes.USAGE_MEDIA));
        } else {
            return manager.requestAudioFocus(l, AudioManager.STREAM_MUSIC, AudioManager.AUDIOFOCUS_GAIN);
        }
    }

    private static AudioFocusRequest focusRequest(int usage) {
        return new AudioFocusRequest.Builder(AudioManager.AUDIOFOCUS_GAIN)
                .setAudioAttributes(attributes(usage))
                .build();
    }
}
