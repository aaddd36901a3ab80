#include "rieszforge/rational.hpp"
