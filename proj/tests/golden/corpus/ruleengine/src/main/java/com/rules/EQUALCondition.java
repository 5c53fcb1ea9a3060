package com.rules;

public class EQUALCondition implements Condition {
    public EQUALCondition(String field, String expected) {
    }
}
