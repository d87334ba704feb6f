#pragma once

#include "moutard/blowup.hpp"
#include "moutard/io.hpp"
