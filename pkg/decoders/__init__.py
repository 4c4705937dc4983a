# Decoders Module
