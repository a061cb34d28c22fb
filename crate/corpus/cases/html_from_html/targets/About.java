package com.example.about;

import android.text.Html;
import android.widget.TextView;

public class About {
    void bind(TextView body, String html) {
        body.setText(Html.fromHtml(html));
    }
}
