import android.media.AudioManager;

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
        return am.requestAudioFocus(listener, AudioManager.STREAM_MUSIC, AudioManager.AUDIOFOCUS_GAIN);
    }
}
