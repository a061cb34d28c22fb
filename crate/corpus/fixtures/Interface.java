public interface Interface {
    int LIMIT = 3;

    void apply(int x);

    default int twice(int x) {
        return x * 2;
    }
}

class Impl implements Interface {
    public void apply(int x) {
        label:
        for (;;) {
            if (x > LIMIT) break label;
            x = twice(x);
        }
        Object o = new Object() {
            @Override
            public String toString() {
                return "anon";
            }
        };
        int y = (int) (x + 0.5);
        long z = ((long) y) << 2 >>> 1;
        boolean b = o instanceof String && !(y == z);
    }
}
