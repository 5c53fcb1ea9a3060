package com.rules;

public class Event {
}
