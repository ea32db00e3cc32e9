#include "baesim/figures.hpp"
#include "baesim/timedomain.hpp"
int main(){return 0;}
