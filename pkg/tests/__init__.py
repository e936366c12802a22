"""
Test suite for Spotify Playlist Generator.
""" 