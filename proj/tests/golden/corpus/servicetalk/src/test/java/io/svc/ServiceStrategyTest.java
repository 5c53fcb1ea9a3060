package io.svc;

import org.junit.Assert;
import org.junit.Before;
import org.junit.Test;

import static org.mockito.Mockito.mock;

public class ServiceStrategyTest {

    private HttpService service;
    private HttpExecutionStrategy strategy;

    @Before
    public void setUp() {
        service = mock(HttpService.class);
        strategy = mock(HttpExecutionStrategy.class);
    }

    @Test
    public void mocksAreWired() {
        Assert.assertNotNull(service);
        Assert.assertNotNull(strategy);
    }
}
