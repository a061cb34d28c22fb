package com.example.player;

import android.media.AudioManager;

public class Player implements AudioManager.OnAudioFocusChangeListener {
    private AudioManager audioManager;

    public int start() {
        return audioManager.requestAudioFocus(this, AudioManager.STREAM_MUSIC, AudioManager.AUDIOFOCUS_GAIN);
    }

    @Override
    public void onAudioFocusChange(int change) {
    }
}
