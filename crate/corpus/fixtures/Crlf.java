class Crlf {
    void m() {
        if (a) {
            b();
        } else c();
    }
}
