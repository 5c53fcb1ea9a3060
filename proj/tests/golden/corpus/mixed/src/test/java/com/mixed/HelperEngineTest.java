package com.mixed;

import org.junit.Assert;
import org.junit.Test;

public class HelperEngineTest {

    @Test
    public void submitsViaHelper() {
        Engine engine = startedEngine();
        submitAll(engine);
        Assert.assertEquals(0, engine.completed());
    }

    private Engine startedEngine() {
        Engine engine = new Engine();
        engine.start();
        return engine;
    }

    private void submitAll(Engine engine) {
        engine.submit("a");
        engine.submit("b");
    }
}
