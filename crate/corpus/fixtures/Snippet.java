private static final int DURATION = 50;
// a member list without an enclosing class
public static void ping(Vibrator v) {
    v.vibrate(DURATION);
}
