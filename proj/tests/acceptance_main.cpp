#include "baesim/figures.hpp"
int main(){return 0;}
