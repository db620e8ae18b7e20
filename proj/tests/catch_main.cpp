// The sandbox ships Catch2 v3 in amalgamated form only; compiling the
// amalgamated source here provides the framework and its default main.
#include <catch2/catch_amalgamated.cpp>
