"""Utils package - Logging and sample data helpers"""
