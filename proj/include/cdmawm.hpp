#pragma once

// Blind CDMA watermarking in the wavelet domain of the luma channel.

#include "cdmawm/attacks.hpp"
#include "cdmawm/bench.hpp"
#include "cdmawm/codec.hpp"
#include "cdmawm/color.hpp"
#include "cdmawm/embedder.hpp"
#include "cdmawm/errors.hpp"
#include "cdmawm/extractor.hpp"
#include "cdmawm/fixtures.hpp"
#include "cdmawm/image.hpp"
#include "cdmawm/io.hpp"
#include "cdmawm/metrics.hpp"
#include "cdmawm/plane.hpp"
#include "cdmawm/wavelet.hpp"
