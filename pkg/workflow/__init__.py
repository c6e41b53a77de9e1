from .design_flow import DesignFlow, FlowReport, STEPS
from .flow_info import FlowInfo

__all__ = ['DesignFlow', 'FlowReport', 'FlowInfo', 'STEPS']
