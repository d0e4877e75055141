#include <cstdio>
int main() { std::puts("flatnet cli placeholder"); return 0; }
