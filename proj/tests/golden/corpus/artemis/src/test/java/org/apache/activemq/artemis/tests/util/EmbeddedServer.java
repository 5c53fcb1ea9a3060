package org.apache.activemq.artemis.tests.util;

public class EmbeddedServer {

    public void start() {
    }

    public void stop() {
    }

    public int activeConnections() {
        return 0;
    }

    public long append(long id) {
        return id;
    }
}
