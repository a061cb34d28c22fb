import android.media.AudioManager;
import android.media.AudioAttributes;
import android.media.AudioFocusRequest;
import android.os.Build;

public class Podcast {
    private final AudioManager am;
    private final AudioManager.OnAudioFocusChangeListener listener;

    Podcast(AudioManager am, AudioManager.OnAudioFocusChangeListener listener) {
        this.am = am;
        this.listener = listener;
    }

    boolean play() {
        return am.requestAudioFocus(listener, AudioManager.STREAM_MUSIC, AudioManager.AUDIOFOCUS_GAIN)
                == AudioManager.AUDIOFOCUS_REQUEST_GRANTED;
    }

    int resume() {
        if (Build.VERSION.SDK_INT >= Build.VERSION_CODES.O) {
            return am.requestAudioFocus(focusRequest(AudioAttributes.USAGE_MEDIA));
        } else {
            return am.requestAudioFocus(listener, AudioManager.STREAM_MUSIC, AudioManager.AUDIOFOCUS_GAIN);
        }
    }

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
}
