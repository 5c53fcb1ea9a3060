package com.mixed;

import java.io.InputStream;
import java.util.Properties;

import org.junit.Assert;
import org.junit.Test;

public class ResourceConfigTest {

    @Test
    public void loadsDefaults() {
        InputStream in = getClass().getResourceAsStream("defaults.properties");
        Properties props = new Properties();
        Assert.assertNotNull(in);
    }
}
