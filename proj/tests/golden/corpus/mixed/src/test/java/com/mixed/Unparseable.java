package com.mixed;

class ))) {
