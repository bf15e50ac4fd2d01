"""Simulated sender -> channel -> receiver link, its eavesdropper, and the NL-layer evaluation."""

from cipherlab.channel.eavesdrop import (
    DEFAULT_SUITE,
    AttackKind,
    TrialResult,
    eavesdrop_and_attack,
    group_by_key_material,
    keystream_cancels,
)
from cipherlab.channel.evaluate import (
    ArmSummary,
    ComparisonReport,
    evaluate_nl_layer,
    mix_text,
    run_trial,
    sample_text,
)
from cipherlab.channel.profiles import ChannelProfile, KeyPolicy, get_profile, load_profiles
from cipherlab.channel.session import (
    Frame,
    ReceiverEntry,
    Trace,
    inject_replays,
    read_frames,
    run_session,
)

__all__ = [
    "ArmSummary",
    "AttackKind",
    "ChannelProfile",
    "ComparisonReport",
    "DEFAULT_SUITE",
    "Frame",
    "KeyPolicy",
    "ReceiverEntry",
    "Trace",
    "TrialResult",
    "eavesdrop_and_attack",
    "evaluate_nl_layer",
    "get_profile",
    "group_by_key_material",
    "inject_replays",
    "keystream_cancels",
    "load_profiles",
    "mix_text",
    "read_frames",
    "run_session",
    "run_trial",
    "sample_text",
]
