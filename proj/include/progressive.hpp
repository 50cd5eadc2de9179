#pragma once

#include "progressive/core.hpp"
#include "progressive/enumerate.hpp"
#include "progressive/error.hpp"
#include "progressive/generators.hpp"
#include "progressive/hasse.hpp"
#include "progressive/identify.hpp"
#include "progressive/linear.hpp"
#include "progressive/model.hpp"
#include "progressive/models.hpp"
#include "progressive/oracle.hpp"
#include "progressive/polytope.hpp"
#include "progressive/random.hpp"
#include "progressive/rational.hpp"
