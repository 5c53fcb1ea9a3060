package com.rules;

public class Rule {
    private final Condition condition;

    public Rule(Condition condition) {
        this.condition = condition;
    }

    public boolean matches(Event event) {
        return condition != null;
    }
}
