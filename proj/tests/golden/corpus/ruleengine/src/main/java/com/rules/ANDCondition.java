package com.rules;

public class ANDCondition implements Condition {
    public ANDCondition(Condition left, Condition right) {
    }
}
