#include <doctest.h>

#include "sgw/freq.hpp"

TEST_SUITE("cli") {}
