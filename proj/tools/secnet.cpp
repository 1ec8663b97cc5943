#include <iostream>

// Placeholder entry point; replaced by the full command driver.
int main()
{
    std::cerr << "secnet: not yet wired\n";
    return 2;
}
