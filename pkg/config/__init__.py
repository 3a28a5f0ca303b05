"""Config package - Contains configuration settings"""
