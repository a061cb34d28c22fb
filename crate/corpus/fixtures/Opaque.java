/*
 * Fixture with constructs the parser keeps as opaque text.
 */
package com.example.fixtures;

import java.util.List;
import java.util.Map;
import static java.util.Objects.requireNonNull;

@SuppressWarnings({"unchecked", "rawtypes"})
public final class Opaque<T extends Comparable<T>> implements Runnable {
    private static final int[] TABLE = {1, 2, 3};
    private final Map<String, List<T>> index;
    private volatile int state;

    enum Mode { FAST, SLOW }

    public Opaque(Map<String, List<T>> index) {
        this.index = requireNonNull(index);
    }

    @Override
    public void run() {
        for (int i = 0; i < TABLE.length; i++) {
            state += TABLE[i];
        }
        while (state > 10) {
            state >>= 1;
        }
        switch (state) {
            case 1:
                state = 2;
                break;
            default:
                state = 0;
        }
        try {
            Thread.sleep(state);
        } catch (InterruptedException e) {
            Thread.currentThread().interrupt();
        } finally {
            state = -state;
        }
        synchronized (this) {
            state++;
        }
        index.forEach((k, v) -> v.sort(null));
        Runnable r = this::run;
        int[] copy = new int[] {state, state};
        String label = state > 0 ? "pos" : "neg";
        label += "\t\"quoted\" // not a comment";
        char c = '\'';
        assert copy.length == 2 : "two";
        do {
            state--;
        } while (state > 0);
    }

    static <U> U first(List<? extends U> xs) {
        return xs.isEmpty() ? null : xs.get(0);
    }
}
