#pragma once

// Umbrella header.

#include "error.hpp"
#include "group.hpp"
#include "random.hpp"
#include "matfun.hpp"
#include "lambda.hpp"
#include "sqrt.hpp"
#include "rep.hpp"
#include "serialize.hpp"
#include "theorems.hpp"
#include "suite.hpp"
