"""脉冲编译：门到脉冲的确定性映射与无冲突调度"""
from .channels import Channel, channel_map, coupling_channel_id, drive_channel_id, readout_channel_id
from .calibration import calibrate_pi2_amplitude, default_sigma, gaussian_envelope
from .pulse_schema import Pulse, PulseSchedule, VirtualZ
from .compiler import compile_gate
from .scheduler import schedule

__all__ = [
    'Channel',
    'channel_map',
    'coupling_channel_id',
    'drive_channel_id',
    'readout_channel_id',
    'calibrate_pi2_amplitude',
    'default_sigma',
    'gaussian_envelope',
    'Pulse',
    'PulseSchedule',
    'VirtualZ',
    'compile_gate',
    'schedule',
]
