package com.airbnb.epoxy;

import java.util.List;

public class Differ {

    public List diff(List oldModels, List newModels) {
        return newModels;
    }
}
