package com.acme.core;

import com.acme.core.Node;
/* import com.acme.util.Strings; -- commented out, must not count */

public final class Edge {
    private final Node from;
    private final Node to;

    Edge(Node from, Node to) {
        this.from = from;
        this.to = to;
    }
}
