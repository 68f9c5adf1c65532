"""Baseband simulator for the 802.16 WirelessMAN-OFDM PHY."""

__version__ = "0.1.0"
