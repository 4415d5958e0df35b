#pragma once

// The library's toString overloads would otherwise win ADL inside doctest.
#define DOCTEST_STRINGIFY(...) ::doctest::toString(__VA_ARGS__)
#include "doctest.h"
