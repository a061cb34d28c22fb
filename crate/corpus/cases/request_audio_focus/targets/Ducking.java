import android.media.AudioManager;

class Ducking {
    private AudioManager audio;
    private AudioManager.OnAudioFocusChangeListener callback;

    int focusRequest() {
        return 0;
    }

    int duck() {
        return audio.requestAudioFocus(callback, AudioManager.STREAM_MUSIC, AudioManager.AUDIOFOCUS_GAIN_TRANSIENT_MAY_DUCK);
    }

    int full() {
        return audio.requestAudioFocus(callback, AudioManager.STREAM_MUSIC, AudioManager.AUDIOFOCUS_GAIN);
    }
}
