#include <doctest.h>
TEST_CASE("p") { CHECK(true); }
