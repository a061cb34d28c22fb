import android.media.AudioAttributes;
import android.media.AudioFocusRequest;
import android.media.AudioManager;
import android.os.Build;

public class FocusExample {
    private static final int USAGE = AudioAttributes.USAGE_MEDIA;

    private static AudioAttributes attributes(int usage) {
        return new AudioAttributes.Builder()
                .setUsage(usage)
                .setContentType(AudioAttributes.CONTENT_TYPE_MUSIC)
                .build();
    }

    private static AudioFocusRequest focusRequest(int usage) {
        return new AudioFocusRequest.Builder(AudioManager.AUDIOFOCUS_GAIN)
                .setAudioAttributes(attributes(usage))
                .build();
    }

    int acquire(AudioManager am, AudioManager.OnAudioFocusChangeListener listener) {
        AudioFocusRequest request = focusRequest(USAGE);
        if (Build.VERSION.SDK_INT >= Build.VERSION_CODES.O) {
            return am.requestAudioFocus(request);
        } else {
            return am.requestAudioFocus(listener, AudioManager.STREAM_MUSIC, AudioManager.AUDIOFOCUS_GAIN);
        }
    }
}
