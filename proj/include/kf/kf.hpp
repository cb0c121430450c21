#pragma once

#include "kf/core.hpp"
#include "kf/measures.hpp"
#include "kf/kaczmarz.hpp"
#include "kf/oracle.hpp"
#include "kf/series.hpp"
#include "kf/analytic.hpp"
#include "kf/sampling.hpp"
#include "kf/io.hpp"
