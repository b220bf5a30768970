#include "gshift/error.hpp"
