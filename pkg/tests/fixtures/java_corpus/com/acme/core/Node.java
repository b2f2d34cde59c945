package com.acme.core;

import java.util.List;

/** A vertex. */
public class Node {
    public static class Kind {}

    private List<Node> children;
}
