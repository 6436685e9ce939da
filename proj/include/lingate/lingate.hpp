#pragma once

#include "lingate/bridge/asr_simulator.hpp"
#include "lingate/bridge/bootstrap.hpp"
#include "lingate/bridge/mt.hpp"
#include "lingate/bridge/text_norm.hpp"
#include "lingate/calibration/data_prep.hpp"
#include "lingate/calibration/threshold.hpp"
#include "lingate/corpus.hpp"
#include "lingate/gateway/experiment.hpp"
#include "lingate/gateway/synthetic.hpp"
#include "lingate/metrics/agreement.hpp"
#include "lingate/metrics/bleu.hpp"
#include "lingate/metrics/rejection.hpp"
#include "lingate/metrics/report.hpp"
#include "lingate/metrics/ter.hpp"
#include "lingate/metrics/wer.hpp"
#include "lingate/nlu/classifier.hpp"
#include "lingate/nlu/model_io.hpp"
#include "lingate/router/router.hpp"
