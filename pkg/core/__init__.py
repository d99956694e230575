# Application infrastructure: configuration, logging, command registry, table output
