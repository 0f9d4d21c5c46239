# Exceptional Modules Application Package
