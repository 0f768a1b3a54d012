#include <doctest.h>
TEST_CASE("placeholder test_adversary") { CHECK(true); }
