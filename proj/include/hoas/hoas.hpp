#pragma once

#include "hoas/algebras.hpp"
#include "hoas/bridge.hpp"
#include "hoas/debruijn.hpp"
#include "hoas/encoding.hpp"
#include "hoas/laws.hpp"
#include "hoas/random.hpp"
#include "hoas/stack.hpp"
