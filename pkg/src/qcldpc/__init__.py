"""QC-LDPC decoder engineering toolkit.

Base-matrix expansion, the compact valid-blocks-only scheduling
representation, superlayer pipelining analysis with a slot-level throughput
model, a bit-exact scaled min-sum layered decoder in float and fixed point,
and a reproducible AWGN Monte-Carlo BER harness.
"""

from .channel import (
    ChannelConfig,
    frame_rng,
    TrialResult,
    awgn_llr,
    ebno_at_ber,
    qfunc,
    results_to_csv,
    run_ber,
    uncoded_bpsk_ber,
)
from .code_model import (
    BaseMatrix,
    BaseMatrixParseError,
    ParityCheckMatrix,
    degrees,
    expand,
    parse_base_matrix,
    serialize_base_matrix,
    syndrome,
    to_alist,
    wifi_base_matrix,
)
from .compact import CompactCode, build_compact, compaction_ratio, layer_dependency
from .decoder import (
    FIXED,
    FLOAT64,
    DecodeResult,
    DecoderConfig,
    DecoderState,
    barrel_shift,
    decode,
    decode_batch,
    hard_decision,
    init,
    layer_update,
    syndrome_weight,
)
from .fixedpoint import Fixed, QFormat, quantize
from .schedule import (
    PIPELINED_2X,
    SERIAL_1X,
    PipelinePlan,
    ScheduleError,
    ThroughputModel,
    pipelining_efficiency,
    rearrange,
    select_superlayer_size,
    slot_count,
    superlayer_candidates,
    throughput,
)

__version__ = "0.1.0"
