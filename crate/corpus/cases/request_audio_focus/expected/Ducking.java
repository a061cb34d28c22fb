import android.media.AudioManager;
import android.media.AudioAttributes;
import android.media.AudioFocusRequest;
import android.os.Build;

class Ducking {
    private AudioManager audio;
    private AudioManager.OnAudioFocusChangeListener callback;

    int focusRequest() {
        return 0;
    }

    int duck() {
        if (Build.VERSION.SDK_INT >= Build.VERSION_CODES.O) {
            return audio.requestAudioFocus(focusRequest_apievolve(AudioAttributes.USAGE_MEDIA));
        } else {
            return audio.requestAudioFocus(callback, AudioManager.STREAM_MUSIC, AudioManager.AUDIOFOCUS_GAIN_TRANSIENT_MAY_DUCK);
        }
    }

    int full() {
        if (Build.VERSION.SDK_INT >= Build.VERSION_CODES.O) {
            return audio.requestAudioFocus(focusRequest_apievolve(AudioAttributes.USAGE_MEDIA));
        } else {
            return audio.requestAudioFocus(callback, AudioManager.STREAM_MUSIC, AudioManager.AUDIOFOCUS_GAIN);
        }
    }

    private static AudioAttributes attributes(int usage) {
        return new AudioAttributes.Builder()
                .setUsage(usage)
                .setContentType(AudioAttributes.CONTENT_TYPE_MUSIC)
                .build();
    }

    private static AudioFocusRequest focusRequest_apievolve(int usage) {
        return new AudioFocusRequest.Builder(AudioManager.AUDIOFOCUS_GAIN)
                .setAudioAttributes(attributes(usage))
                .build();
    }
}
