#pragma once

#include "coreflow/balancer.hpp"
#include "coreflow/edge_list.hpp"
#include "coreflow/engine.hpp"
#include "coreflow/errors.hpp"
#include "coreflow/generators.hpp"
#include "coreflow/gossip.hpp"
#include "coreflow/graph.hpp"
#include "coreflow/oracle.hpp"
