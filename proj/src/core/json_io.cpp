#include "core/num.hpp"
