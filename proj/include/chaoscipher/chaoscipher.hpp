#pragma once

#include "chaoscipher/attack.hpp"
#include "chaoscipher/avalanche.hpp"
#include "chaoscipher/bitseq.hpp"
#include "chaoscipher/chaos.hpp"
#include "chaoscipher/cipher.hpp"
#include "chaoscipher/image.hpp"
#include "chaoscipher/key.hpp"
#include "chaoscipher/keyfile.hpp"
#include "chaoscipher/nist.hpp"
#include "chaoscipher/pnm.hpp"
#include "chaoscipher/report.hpp"
#include "chaoscipher/special.hpp"
